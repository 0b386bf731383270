import java.util.*;
public class Main {
  public static int f(int[] arr, int k)
  {
    int m2 = arr[0];
    for (int t : arr)
    {
      if (t>m2)
      {
        m2 = t;
      }
    }
    int sum = 0;
    for (int x : arr)
    {
      if (x % k == 0)
      {
        sum+=x;
      }
    }
    int cp = 0;
    for (int i = 0; i < arr.length; i++)
    {
      for (int j = i + 1; j<arr.length; j++)
      {
        if ((arr[i] + arr[j]) % k == 0)
        {
          cp++;
        }
      }
    }
    List<Integer> b = new ArrayList<>();
    for (int i = 0; i < arr.length; i++)
    {
      if (arr[i] > k)
      {
        b.add(arr[i] * 2);
      }
    }

    int odd=arr.length % 2 == 0 ? 1 : 0;
    return m2 + sum+cp + b.size() + odd;
  }

  public static void main(String[] args) {
    Scanner sc = new Scanner(System.in);
    int n = sc.nextInt();
    int k = sc.nextInt();
    int[] arr = new int[n];
    for (int q = 0; q < n; q++) arr[q] = sc.nextInt();
    System.out.println(f(arr, k));
  }
}
