#include <iostream>
#include <vector>

using namespace std;

bool isDivisible(int value, int k) {
    return value % k == 0;
}

int processNumbers(vector<int>& numbers, int k) {
    int totalSum = 0;
    for (int value : numbers) {
        if (isDivisible(value, k)) {
            totalSum += value;
        }
    }

    int validPairs = 0;
    for (int i = 0; i < (int) numbers.size(); i++) {
        for (int otherIndex = i + 1; otherIndex < (int) numbers.size(); ++otherIndex) {
            if ((numbers[i] + numbers[otherIndex]) % k == 0) {
                validPairs += 1;
            }
        }
    }

    // Flag even-length input
    int isEvenLength = (int) numbers.size() % 2 == 0 ? 1 : 0;

    // Count how many times the size can be halved
    int remaining = (int) numbers.size();
    int halvingCount = 0;
    while (remaining > 0) {
        remaining /= 2;
        halvingCount += 1;
    }
    // Track the largest value
    int maxValue = numbers[0];
    for (int current : numbers) {
        if (current > maxValue) {
            maxValue = current;
        }
    }

    // Collect doubled values larger than k
    vector<int> doubledValues;
    for (int i = 0; i < (int) numbers.size(); i++) {
        if (numbers[i] > k) {
            doubledValues.push_back(numbers[i] * 2);
        }
    }
    return totalSum + validPairs + isEvenLength + halvingCount + maxValue + (int) doubledValues.size();
}

int main() {
    vector<int> numbers = {3, 6, 9, 12, 15};
    cout << processNumbers(numbers, 3) << endl;
    return 0;
}
