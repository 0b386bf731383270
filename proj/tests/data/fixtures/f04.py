def compute(nums, d):
    mx = nums[0]
    for item in nums:
        if item>mx:
            mx=item
    acc = 0
    for num in nums:
        if num % d == 0:
            acc += num
    return mx + acc

n, d = map(int, input().split())
nums = list(map(int, input().split()))
print(compute(nums, d))
